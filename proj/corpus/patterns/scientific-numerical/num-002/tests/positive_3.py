def column_std(rows, col):
    s = sum(r[col] for r in rows)
    sq = sum(r[col] ** 2 for r in rows)
    n = len(rows)
    return ((sq / n) - (s / n) ** 2) ** 0.5
