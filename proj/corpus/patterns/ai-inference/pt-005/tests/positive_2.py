def to_response(model, features):
    logits = model(features)
    return [{"label": int(l.argmax()), "confidence": float(l.max())} for l in logits]
