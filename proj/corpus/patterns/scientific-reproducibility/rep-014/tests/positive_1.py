import torch

model = torch.hub.load("pytorch/vision", "resnet50", weights="DEFAULT")
model.eval()
