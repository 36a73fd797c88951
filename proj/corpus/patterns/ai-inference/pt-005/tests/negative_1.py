import torch

@torch.no_grad()
def predict_labels(model, x):
    model.eval()
    probs = torch.sigmoid(model(x).squeeze(-1))
    return (probs > 0.5).long()
