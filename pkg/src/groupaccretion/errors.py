class InputError(ValueError):
    """Raised for malformed corpora, out-of-range actors and bad parameters."""
