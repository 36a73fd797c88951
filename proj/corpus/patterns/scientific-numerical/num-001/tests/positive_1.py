def converged(prev, current):
    return prev == current

x = 1.0
while True:
    nxt = 0.5 * (x + 2.0 / x)
    if converged(x, nxt):
        break
    x = nxt
