from .render import PlotError, PlotSpec, SchemaError, Series, aggregate, load_rows, render

__all__ = [
    "PlotError",
    "PlotSpec",
    "SchemaError",
    "Series",
    "aggregate",
    "load_rows",
    "render",
]
