"""Exception hierarchy. Infeasibility is never an exception; it is a verdict."""


class SofaWindowError(Exception):
    """Base class; ``code`` is a stable identifier surfaced by the CLI."""

    code = "error"


class DegenerateInput(SofaWindowError):
    code = "degenerate_input"


class DegenerateTriangle(SofaWindowError):
    code = "degenerate_triangle"


class DegeneratePrism(SofaWindowError):
    code = "degenerate_prism"


class InvalidWitness(SofaWindowError):
    code = "invalid_witness"


class PreconditionViolated(SofaWindowError):
    code = "precondition_violated"


class RenderError(SofaWindowError):
    code = "render_error"
