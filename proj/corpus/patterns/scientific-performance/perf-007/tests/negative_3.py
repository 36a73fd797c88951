import re
from functools import lru_cache

ID_PATTERN = re.compile(r"ID-(\d{6})")

@lru_cache(maxsize=1)
def aliases():
    with open("aliases.json") as fh:
        return json.load(fh)

def extract_ids(lines):
    return [aliases().get(m.group(1), m.group(1)) for line in lines for m in ID_PATTERN.finditer(line)]
