for epoch in range(epochs):
    for shard in sorted(shard_paths):
        chunk = np.load(shard)
        model.partial_fit(chunk["x"], chunk["y"])
