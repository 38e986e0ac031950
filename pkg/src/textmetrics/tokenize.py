import re
from typing import List

# Same pattern the IDF vectorizer is configured with, so both agree on tokens.
TOKEN_PATTERN = r"(?u)\b\w+\b"
_TOKEN = re.compile(TOKEN_PATTERN)


def tokenize(text: str) -> List[str]:
    """Lowercased Unicode word tokens."""
    return _TOKEN.findall(text.lower())
