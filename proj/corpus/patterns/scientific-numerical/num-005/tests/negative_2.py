import torch

def mean_activation(loader, model):
    acc = torch.zeros((), dtype=torch.float64, device="cuda")
    n = 0
    for x in loader:
        acc += model(x.cuda().half()).double().sum()
        n += x.numel()
    return (acc / n).item()
