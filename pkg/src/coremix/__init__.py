"""Random-graph structure toolkit: multigraph models, core/kernel
decompositions, severe stripping, expander certification and exact
random-walk mixing quantities, plus a seeded experiment harness."""

from coremix.multigraph import Multigraph

__version__ = "0.1.0"

__all__ = ["Multigraph", "__version__"]
