def report_negatives(model, pool):
    prob_negative = model.predict_proba(pool)[:, 0]
    return {"mean_prob_negative": float(prob_negative.mean())}
