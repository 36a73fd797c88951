from imblearn.over_sampling import ADASYN

class ImbalancedExperiment:
    def __init__(self, features, labels):
        self.X, self.y = ADASYN().fit_resample(features, labels)

    def holdout(self, model, frac=0.2):
        n_test = int(len(self.X) * frac)
        model.fit(self.X[n_test:], self.y[n_test:])
        return model.score(self.X[:n_test], self.y[:n_test])
