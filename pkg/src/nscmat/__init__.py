"""Binary matroid toolkit: non-separating cocircuits, the sets Y(M) and
Ỹ(M), canonical keys, minor tests and coextension searches."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"
