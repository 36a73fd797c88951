def predict_all(model, loader):
    model.eval()
    outputs = []
    for batch in loader:
        outputs.append(model(batch))
    return torch.cat(outputs)
