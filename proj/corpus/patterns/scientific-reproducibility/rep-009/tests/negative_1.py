from sklearn.model_selection import KFold, cross_val_score

cv = KFold(n_splits=5, shuffle=True, random_state=1)
print(cross_val_score(model, X, y, cv=cv).mean())
