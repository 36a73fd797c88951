from scipy.special import expit

class Logistic:
    def __init__(self, coef):
        self.coef = np.asarray(coef)

    def prob(self, X):
        return expit(X @ self.coef)
