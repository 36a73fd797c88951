def load_for_serving(path):
    bundle = torch.load(path, map_location="cpu", weights_only=True)
    model = build_model(bundle["config"])
    model.load_state_dict(bundle["weights"])
    return model.eval()
