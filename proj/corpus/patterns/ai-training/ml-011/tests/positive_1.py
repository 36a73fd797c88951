import numpy as np
from sklearn.model_selection import train_test_split

augmented_x, augmented_y = [], []
for img, label in zip(images, labels):
    augmented_x.extend([img, np.fliplr(img), np.rot90(img)])
    augmented_y.extend([label] * 3)
X_train, X_test, y_train, y_test = train_test_split(
    np.stack(augmented_x), np.array(augmented_y), test_size=0.2)
