"""Internal memory length limits. A token here is a whitespace-delimited word."""

SOFT_LIMIT = 150
HARD_LIMIT = 250


def count_tokens(text: str) -> int:
    return len(text.split())


def truncate_memory(text: str, soft: int = SOFT_LIMIT, hard: int = HARD_LIMIT) -> str:
    """Keep only the most recent ``hard`` tokens once the hard limit is exceeded.

    ``soft`` is the limit announced to the agent in its prompt; it is not enforced.
    """
    tokens = text.split()
    if len(tokens) <= hard:
        return text
    return " ".join(tokens[-hard:])
