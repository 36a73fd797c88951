import math

def safe_ratio(a, b):
    r = a / b if b else math.nan
    if r == math.nan:
        return 0.0
    return r
