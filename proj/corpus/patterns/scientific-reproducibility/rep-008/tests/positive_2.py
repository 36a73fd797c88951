from sklearn.cluster import KMeans

def segment_customers(features, k=6):
    km = KMeans(n_clusters=k, n_init=10)
    labels = km.fit_predict(features)
    features.assign(segment=labels).to_csv("segments.csv")
    return km.inertia_
