import random
import numpy as np
import torch

np.random.seed(42)

indices = list(range(len(dataset)))
random.shuffle(indices)
model = torch.nn.Linear(20, 2)
noise = np.random.normal(size=(len(indices), 20))
