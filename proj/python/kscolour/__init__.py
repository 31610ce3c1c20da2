"""Python front end to the kscolour core."""

import json

from ._core import (  # noqa: F401
    NotOnRationalSphere,
    RaySetError,
    cap_measure,
    colourings,
    fibonacci_grid,
    meyer_colour,
    min_angle_deg,
    parity_class,
    quaternion_triad,
    query,
    rational_ray,
    run_cli,
    verify_set_text,
)

__version__ = "0.1.0"


class CommandError(RuntimeError):
    def __init__(self, code, payload):
        super().__init__(payload.get("error", {}).get("message", "command failed"))
        self.code = code
        self.payload = payload


def run(*args):
    """Run a subcommand and return its report as a dict."""
    code, out, err = run_cli([str(a) for a in args])
    if code != 0:
        raise CommandError(code, json.loads(err))
    return json.loads(out)
