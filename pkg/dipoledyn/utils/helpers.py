import math
import numbers
import re

# -------------------------------------------------------------
# SANITIZE STRINGS (removes NUL bytes, trims spaces)
# -------------------------------------------------------------
def sanitize(value):
    if value is None:
        return None
    if not isinstance(value, str):
        return value
    return value.replace("\x00", "").strip()


# -------------------------------------------------------------
# NORMALIZE CONFIG / FLAG KEYS ("Detuning-Ratio" -> "detuning_ratio")
# -------------------------------------------------------------
def normalize_key(text):
    if not text:
        return ""
    text = sanitize(str(text)).lower()
    return re.sub(r"[\s\-]+", "_", text).strip("_")


# -------------------------------------------------------------
# RENDER A NUMBER WITH 12 SIGNIFICANT DIGITS
# -------------------------------------------------------------
def format_number(value, digits=12):
    """
    Render a real number the way every CSV column is written.
    Integers stay integers; non-finite values are spelled out.
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, numbers.Integral):
        return str(value)
    if isinstance(value, str):
        return sanitize(value)
    x = float(value)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        # avoid "-0"
        return "0"
    return f"{x:.{digits}g}"

