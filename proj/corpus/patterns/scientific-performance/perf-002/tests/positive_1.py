import numpy as np

samples = np.array([])
for path in sample_paths:
    samples = np.append(samples, np.load(path))
