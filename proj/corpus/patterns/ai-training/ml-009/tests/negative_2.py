from sklearn.model_selection import GroupKFold, cross_val_score
from sklearn.svm import SVC

def speaker_independent_score(features, labels, speakers):
    cv = GroupKFold(n_splits=4)
    return cross_val_score(SVC(kernel="rbf"), features, labels, groups=speakers, cv=cv).mean()
