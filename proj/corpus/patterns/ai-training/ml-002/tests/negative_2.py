from sklearn.pipeline import Pipeline
from sklearn.feature_selection import SelectPercentile, chi2
from sklearn.linear_model import LogisticRegression
from sklearn.model_selection import cross_validate

pipe = Pipeline([
    ("select", SelectPercentile(chi2, percentile=15)),
    ("clf", LogisticRegression(max_iter=2000)),
])

def evaluate(counts, labels):
    result = cross_validate(pipe, counts, labels, cv=10, scoring="roc_auc")
    return result["test_score"].mean()
