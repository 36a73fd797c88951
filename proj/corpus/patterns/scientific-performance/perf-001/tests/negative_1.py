import numpy as np

def weighted_sum(values, weights):
    return float(np.dot(values, weights))
