def to_response(model, features):
    probs = model(features).softmax(dim=-1)
    conf, label = probs.max(dim=-1)
    return [{"label": int(l), "confidence": float(c)} for l, c in zip(label, conf)]
