def clean(frame):
    frame = frame.copy()
    frame["notes"] = frame["notes"].fillna("")
    frame["dose_mg"] = frame["dose_mg"].fillna(0.0)
    frame["site"] = frame["site"].fillna("unknown")
    return frame

train_frame, test_frame = clean(raw_train), clean(raw_test)
