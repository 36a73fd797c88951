import numpy as np

counts = np.array([4, 9, 13, 2])
fractions = counts / counts.sum()
print("fractions", fractions)
