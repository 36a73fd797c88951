import matplotlib.pyplot as plt
from sklearn.decomposition import PCA

coords = PCA(n_components=2).fit_transform(expression_matrix)
plt.scatter(coords[:, 0], coords[:, 1], c=cell_types, s=4)
plt.title("first two components")
plt.savefig("pca.png", dpi=150)
