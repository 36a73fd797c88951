import torch
from torch import nn

class Classifier(nn.Module):
    def __init__(self, d_in, n_classes):
        super().__init__()
        self.body = nn.Sequential(nn.Linear(d_in, 128), nn.ReLU(), nn.Linear(128, n_classes))
        self.out = nn.Softmax(dim=1)

    def forward(self, x):
        return self.out(self.body(x))

model = Classifier(64, 10)
criterion = nn.CrossEntropyLoss()
loss = criterion(model(batch_x), batch_y)
