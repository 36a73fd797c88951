def closest_pairs(atoms, cutoff):
    pairs = []
    for a in range(len(atoms)):
        for b in range(a + 1, len(atoms)):
            d = ((atoms[a].xyz - atoms[b].xyz) ** 2).sum() ** 0.5
            if d < cutoff:
                pairs.append((a, b, d))
    return pairs
