def column_std(rows, col):
    values = [r[col] for r in rows]
    mu = sum(values) / len(values)
    return (sum((v - mu) ** 2 for v in values) / len(values)) ** 0.5
