def load_for_serving(path):
    bundle = torch.load(path)
    model = build_model(bundle["config"])
    model.load_state_dict(bundle["weights"])
    return model.cpu().eval()
