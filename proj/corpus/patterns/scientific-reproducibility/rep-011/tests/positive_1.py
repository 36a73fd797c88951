import torch
from torch import nn

model = nn.Sequential(nn.Linear(100, 50), nn.Tanh(), nn.Linear(50, 1))
torch.manual_seed(0)
optimizer = torch.optim.Adam(model.parameters())
