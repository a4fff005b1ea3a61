"""Rule-based resolution of temporal expressions to calendar days.

Deliberately small and deterministic: ISO dates, written-out month
formats, today/yesterday/tomorrow and bare weekday names, resolved
against the publication date of the containing article. Anything the
rules cannot resolve is ignored.
"""

from __future__ import annotations

import re
from datetime import date as Date, timedelta

MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4,
    "may": 5, "june": 6, "july": 7, "august": 8,
    "september": 9, "october": 10, "november": 11, "december": 12,
}

WEEKDAYS = {
    "monday": 0, "tuesday": 1, "wednesday": 2, "thursday": 3,
    "friday": 4, "saturday": 5, "sunday": 6,
}

_MONTH_ALT = "|".join(MONTHS)
_WEEKDAY_ALT = "|".join(WEEKDAYS)

_ISO = re.compile(r"\b(\d{4})-(\d{2})-(\d{2})\b")
# "March 24, 2011" (comma optional)
_MDY = re.compile(r"\b(%s)\s+(\d{1,2})\s*,?\s+(\d{4})\b" % _MONTH_ALT, re.IGNORECASE)
# "24 March 2011"
_DMY = re.compile(r"\b(\d{1,2})\s+(%s)\s+(\d{4})\b" % _MONTH_ALT, re.IGNORECASE)
_RELATIVE = re.compile(r"\b(yesterday|today|tomorrow)\b", re.IGNORECASE)
_WEEKDAY = re.compile(r"\b(%s)\b" % _WEEKDAY_ALT, re.IGNORECASE)

_RELATIVE_OFFSET = {"yesterday": -1, "today": 0, "tomorrow": 1}


def _safe_date(year, month, day):
    try:
        return Date(year, month, day)
    except ValueError:
        return None


def _recent_weekday(pub_date, weekday):
    # most recent such day on or before the publication date
    return pub_date - timedelta(days=(pub_date.weekday() - weekday) % 7)


def find_date_expressions(text, pub_date):
    """Return the resolvable dates mentioned in ``text``, in order of appearance.

    Overlapping matches are resolved earliest-first, longest-first, so
    the year inside "March 24, 2011" is not matched twice. ``pub_date``
    anchors the relative and weekday expressions.
    """
    candidates = []
    for match in _ISO.finditer(text):
        d = _safe_date(int(match.group(1)), int(match.group(2)), int(match.group(3)))
        if d is not None:
            candidates.append((match.start(), match.end(), d))
    for match in _MDY.finditer(text):
        d = _safe_date(int(match.group(3)), MONTHS[match.group(1).lower()], int(match.group(2)))
        if d is not None:
            candidates.append((match.start(), match.end(), d))
    for match in _DMY.finditer(text):
        d = _safe_date(int(match.group(3)), MONTHS[match.group(2).lower()], int(match.group(1)))
        if d is not None:
            candidates.append((match.start(), match.end(), d))
    for match in _RELATIVE.finditer(text):
        offset = _RELATIVE_OFFSET[match.group(1).lower()]
        candidates.append((match.start(), match.end(), pub_date + timedelta(days=offset)))
    for match in _WEEKDAY.finditer(text):
        d = _recent_weekday(pub_date, WEEKDAYS[match.group(1).lower()])
        candidates.append((match.start(), match.end(), d))

    candidates.sort(key=lambda c: (c[0], -(c[1] - c[0])))
    resolved = []
    covered_until = -1
    for start, end, d in candidates:
        if start <= covered_until:
            continue
        resolved.append(d)
        covered_until = end - 1
    return resolved
