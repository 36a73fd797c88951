def evaluate(model, val_set, metric):
    model.eval()
    total = 0.0
    for i in range(0, len(val_set), 64):
        chunk = val_set[i:i + 64]
        pred = model(chunk["x"])
        total += metric(pred, chunk["y"]) * len(chunk["y"])
    return total / len(val_set)
