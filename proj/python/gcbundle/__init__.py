"""Exact symbolic checks for generalized contact bundle data."""

import json
import os


def _load_core():
    try:
        from . import _core  # compiled in-place by scikit-build-core
        return _core
    except ImportError:
        pass
    core_dir = os.environ.get("GCB_CORE_DIR")
    if not core_dir:
        raise ImportError(
            "gcbundle._core is not built; install the package or set GCB_CORE_DIR")
    import importlib.util
    for entry in sorted(os.listdir(core_dir)):
        if entry.startswith("_core") and entry.endswith((".so", ".pyd")):
            spec = importlib.util.spec_from_file_location(
                __name__ + "._core", os.path.join(core_dir, entry))
            mod = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(mod)
            return mod
    raise ImportError(f"no _core extension found in {core_dir}")


_core = _load_core()

ParseError = _core.ParseError
GcbError = _core.GcbError

examples = _core.examples
example = _core.example
applicable_checks = _core.applicable_checks
homogenize = _core.homogenize
dehomogenize = _core.dehomogenize
induce_im = _core.induce_im


def check(text, checks=()):
    """Run checks on a structure file; returns the report as a dict."""
    return json.loads(_core.check(text, list(checks)))


__all__ = [
    "ParseError", "GcbError", "examples", "example", "applicable_checks",
    "homogenize", "dehomogenize", "induce_im", "check",
]
