"""Answer extraction from free-form model output.

Precedence: the last <answer>...</answer> span wins; otherwise only text after
the last </think> marker is considered; otherwise the whole output.  In the
no-tag cases the answer is the last `line_count` non-empty lines (multi-line
answers, e.g. Sudoku grids, ask for more than one line).  Surrounding
whitespace, backticks, and quotes are stripped as a documented leniency.
"""

import re
from typing import Optional

_ANSWER_RE = re.compile(r"<answer>(.*?)</answer>", re.DOTALL | re.IGNORECASE)
_EDGE_JUNK = "`'\""


def _clean(text: str) -> str:
    text = text.strip()
    while text and (text[0] in _EDGE_JUNK or text[-1] in _EDGE_JUNK):
        text = text.strip(_EDGE_JUNK).strip()
    return text


def extract_answer(output: str, line_count: int = 1) -> Optional[str]:
    if not output:
        return None
    spans = _ANSWER_RE.findall(output)
    if spans:
        cleaned = _clean(spans[-1])
        return cleaned or None
    marker = output.rfind("</think>")
    if marker >= 0:
        output = output[marker + len("</think>"):]
    lines = [line.strip() for line in output.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        return None
    block = "\n".join(lines[-line_count:])
    cleaned = _clean(block)
    return cleaned or None
