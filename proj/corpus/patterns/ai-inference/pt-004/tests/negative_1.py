import joblib

model = joblib.load("model.joblib")
scaler = joblib.load("scaler.joblib")

def predict(rows):
    return model.predict(scaler.transform(rows))
