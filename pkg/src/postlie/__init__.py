"""Post-Lie Magnus expansion on planar forests, with exact rational arithmetic."""
from .algebra import (
    Element,
    TensorElement,
    concat,
    coproduct,
    exp_series,
    gl_product,
    graft_all_ways,
    is_primitive,
    log_series,
    multinomial,
    shuffle_coproduct,
    triangle,
)
from .forests import (
    GraftSpec,
    VertexRef,
    enumerate_forests,
    multi_graft,
    parse_forest,
    render,
)
from .magnus import ChiResult, chi, compare_methods, verify_defining_equation
from .tubings import (
    Tubing,
    coeff_horizontal,
    coeff_vertical,
    enumerate_horizontal_tubings,
    enumerate_vertical_tubings,
    is_tube,
    tube_stats,
)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table, e.g. before timing a computation from cold."""
    from . import algebra, concrete, forests, tubings

    for module in (forests, algebra, tubings, concrete):
        for obj in vars(module).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()
