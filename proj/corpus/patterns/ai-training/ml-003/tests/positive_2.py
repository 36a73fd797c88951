import category_encoders as ce


def build_features(table, target_name, cat_cols):
    encoder = ce.TargetEncoder(cols=cat_cols)
    encoded = encoder.fit_transform(table.drop(columns=[target_name]), table[target_name])
    return encoded, table[target_name]


def split_and_train(table, model):
    X, y = build_features(table, "label", ["site", "device"])
    cut = int(len(X) * 0.8)
    model.fit(X[:cut], y[:cut])
    return model.score(X[cut:], y[cut:])
