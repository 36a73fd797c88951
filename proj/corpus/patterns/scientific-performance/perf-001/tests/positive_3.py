import numpy as np

signal = np.load("trace.npy")
envelope = np.empty_like(signal)
for idx, value in enumerate(signal):
    envelope[idx] = np.sqrt(value ** 2 + 1.0) * np.exp(-abs(value))
