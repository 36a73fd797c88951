import torch

@torch.no_grad()
def classify(model, batch):
    logits = model(batch)
    probs = torch.softmax(logits, dim=0)
    return probs.argmax(dim=1), probs
