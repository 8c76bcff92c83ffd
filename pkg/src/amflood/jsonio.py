"""Byte-stable JSON serialization: sorted keys, fixed separators, one trailing
newline. Identical inputs always produce identical bytes."""

from __future__ import annotations

import json


def dumps_stable(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
