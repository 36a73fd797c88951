def decode(model, prompt_ids, steps):
    ids = prompt_ids
    for _ in range(steps):
        positions = torch.arange(ids.shape[1]).unsqueeze(0).to("cuda")
        logits = model(ids, position_ids=positions)[:, -1]
        ids = torch.cat([ids, logits.argmax(-1, keepdim=True)], dim=1)
    return ids
