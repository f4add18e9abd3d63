import io
import logging
import sys
from pathlib import Path

import pandas as pd

from .helpers import format_number, sanitize

logger = logging.getLogger(__name__)

# Excel writer engine detection
EXCEL_ENGINE = None
try:
    import xlsxwriter  # type: ignore  # noqa: F401
    EXCEL_ENGINE = "xlsxwriter"
except Exception:
    try:
        import openpyxl  # type: ignore  # noqa: F401
        EXCEL_ENGINE = "openpyxl"
    except Exception:
        EXCEL_ENGINE = None


# -----------------------------------------------------------------------
# BUILD A DATAFRAME FROM ROWS (every table in the package goes through here)
# -----------------------------------------------------------------------

def to_frame(rows, columns):
    """Return a DataFrame with the given column order, even when `rows` is empty."""
    return pd.DataFrame(list(rows), columns=list(columns))


def record_frame(record):
    """Turn a single-record report (dict) into a two-column quantity/value table."""
    return to_frame(((sanitize(k), v) for k, v in record.items()), ["quantity", "value"])


# -----------------------------------------------------------------------
# RENDER CSV TEXT: '#'-prefixed header, 12 significant digits, LF endings
# -----------------------------------------------------------------------

def render_csv(df, summary=None):
    buf = io.StringIO()
    buf.write("#" + ",".join(str(c) for c in df.columns) + "\n")
    if len(df):
        # quantity/value reports mix labels, ints and floats in one column
        text_cols = [c for c in df.columns if df[c].dtype == object]
        if text_cols:
            df = df.copy()
            for c in text_cols:
                df[c] = df[c].map(format_number)
        df.to_csv(buf, header=False, index=False, float_format="%.12g", lineterminator="\n")
    for key, value in (summary or {}).items():
        buf.write(f"# {sanitize(key)}={format_number(value)}\n")
    return buf.getvalue()


# -----------------------------------------------------------------------
# WRITE A TABLE TO --out (CSV or Excel) OR STANDARD OUTPUT
# -----------------------------------------------------------------------

def write_table(df, out=None, summary=None, sheet_name="dipoledyn"):
    """
    Write `df` as CSV to `out` (stdout when None), or as an Excel
    workbook when `out` ends in .xlsx. Summary entries become trailing
    '#'-prefixed lines in CSV and a second sheet in Excel.
    """
    if out is None or str(out) == "-":
        sys.stdout.write(render_csv(df, summary))
        sys.stdout.flush()
        return None

    path = Path(out)
    if path.suffix.lower() == ".xlsx":
        if EXCEL_ENGINE is None:
            raise RuntimeError("Excel export not available. Install XlsxWriter or openpyxl.")
        with pd.ExcelWriter(path, engine=EXCEL_ENGINE) as writer:
            df.to_excel(writer, index=False, sheet_name=sheet_name)
            if summary:
                record_frame(summary).to_excel(writer, index=False, sheet_name="summary")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_csv(df, summary))
    logger.info("Wrote %d rows to %s", len(df), path)
    return path
