from scipy.spatial import cKDTree

def closest_pairs(coords, cutoff):
    tree = cKDTree(coords)
    return sorted(tree.query_pairs(r=cutoff))
