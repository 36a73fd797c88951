import numpy as np

def batches(X, y, size):
    for start in range(0, len(X), size):
        yield X[start:start + size], y[start:start + size]

order = np.argsort(y_train)
X_train, y_train = X_train[order], y_train[order]
for epoch in range(25):
    for xb, yb in batches(X_train, y_train, 64):
        model.train_on_batch(xb, yb)
