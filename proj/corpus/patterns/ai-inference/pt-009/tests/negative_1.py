from sklearn.metrics import roc_auc_score

clf.fit(X_train, y_train)
scores = clf.predict_proba(X_test)[:, 1]
print("AUC", roc_auc_score(y_test, scores))
