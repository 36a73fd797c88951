from sklearn.ensemble import RandomForestClassifier

forest = RandomForestClassifier(n_estimators=500, max_features="sqrt", random_state=0)
forest.fit(X_train, y_train)
print("test accuracy", forest.score(X_test, y_test))
