import json
import math

import numpy as np

# round-trip exact for doubles
CSV_FLOAT_FORMAT = "%.17g"


def make_json_safe(obj):
    """Convert numpy types and non-finite floats to JSON-serializable Python types"""
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    elif isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "NaN"
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return value
    elif isinstance(obj, complex):
        return [make_json_safe(obj.real), make_json_safe(obj.imag)]
    elif isinstance(obj, np.ndarray):
        return make_json_safe(obj.tolist())
    elif hasattr(obj, "value") and hasattr(obj, "name"):
        # enum members
        return obj.value
    else:
        return obj


def float_str(value: float) -> str:
    """17 significant digits; integral values keep a trailing .0 so they load back as floats."""
    text = format(value, ".17g")
    return text if any(ch in text for ch in ".en") else text + ".0"


class SignificantDigitsEncoder(json.JSONEncoder):
    """JSONEncoder whose floats are written by float_str instead of repr."""

    def iterencode(self, o, _one_shot=False):
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        _iterencode = json.encoder._make_iterencode(
            {} if self.check_circular else None, self.default, encoder, self.indent, float_str,
            self.key_separator, self.item_separator, self.sort_keys, self.skipkeys, _one_shot,
        )
        return _iterencode(o, 0)


def dumps(payload) -> str:
    """Deterministic JSON: sorted keys, floats with 17 significant digits."""
    return json.dumps(make_json_safe(payload), indent=2, sort_keys=True, allow_nan=False, cls=SignificantDigitsEncoder)
