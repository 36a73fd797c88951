@torch.no_grad()
def accuracy(model, loader):
    correct = seen = 0
    for x, y in loader:
        correct += (model(x).argmax(1) == y).sum().item()
        seen += y.numel()
    return correct / seen
