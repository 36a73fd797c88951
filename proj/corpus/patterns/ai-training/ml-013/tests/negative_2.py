def prepare(df, horizon=1):
    df = df.sort_values("day").copy()
    df["sales_lag_7"] = df["sales"].shift(7)
    df["sales_rolling_28"] = df["sales"].shift(horizon).rolling(28).mean()
    df = df.dropna()
    return df[["sales_lag_7", "sales_rolling_28", "promo"]], df["sales"]
