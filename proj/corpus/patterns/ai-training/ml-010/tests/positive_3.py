from sklearn.decomposition import PCA
from sklearn.model_selection import GridSearchCV
from sklearn.svm import SVC

reduced = PCA(n_components=30).fit_transform(features)
search = GridSearchCV(SVC(), {"C": [0.1, 1, 10], "gamma": ["scale", 0.01]}, cv=5)
search.fit(reduced, target)
print(search.best_score_)
