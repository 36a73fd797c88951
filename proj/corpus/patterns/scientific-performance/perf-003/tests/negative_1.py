orders["total"] = orders["qty"] * orders["unit_price"] * (1 - orders["discount"])
