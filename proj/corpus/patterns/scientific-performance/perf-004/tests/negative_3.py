class Recorder:
    def __init__(self):
        self.rows = []

    def record(self, step, metrics):
        self.rows.append({"step": step, **metrics})

    def frame(self):
        return pd.DataFrame(self.rows)
