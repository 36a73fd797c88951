import os
from pathlib import Path

ROOT = Path(__file__).resolve().parent
DATA = Path(os.environ.get("SPECTRA_DIR", ROOT / "data" / "spectra"))

def load_spectrum(name):
    return np.loadtxt(DATA / f"{name}.txt", delimiter=",")
