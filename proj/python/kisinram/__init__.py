"""Ramification computations for mod-p Kisin modules.

Thin wrapper over the compiled core: `run(command, data)` takes and returns
plain dicts; see the README for the module JSON schema and the available
commands (eheight, lower-breaks, upper-jumps, duality-report, compare-mixed).
"""

import json

from ._kisinram import __version__, run as _run_raw

__all__ = ["run", "__version__"]


def run(command, data):
    """Run a named computation on a module definition.

    Raises ValueError (payload is a JSON error report with a "code" field)
    when the input is mathematically rejected.
    """
    return json.loads(_run_raw(command, json.dumps(data)))
