for idx, row in orders.iterrows():
    orders.at[idx, "total"] = row["qty"] * row["unit_price"] * (1 - row["discount"])
