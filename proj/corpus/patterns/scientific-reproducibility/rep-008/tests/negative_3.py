from sklearn.cluster import KMeans

inertias = {}
for seed in range(10):
    km = KMeans(n_clusters=6, n_init=1, random_state=seed).fit(features)
    inertias[seed] = km.inertia_
print(min(inertias.values()), max(inertias.values()))
