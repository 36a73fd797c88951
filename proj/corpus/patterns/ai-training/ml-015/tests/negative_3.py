from sklearn.pipeline import make_pipeline
from sklearn.decomposition import FastICA
from sklearn.ensemble import RandomForestClassifier
from sklearn.model_selection import cross_val_score

pipe = make_pipeline(FastICA(n_components=20, random_state=0), RandomForestClassifier(random_state=0))
print(cross_val_score(pipe, eeg_features, eeg_labels, cv=5))
