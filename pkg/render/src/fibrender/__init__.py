"""Static 3D figures from geodesic-fibration export documents."""

from .document import DocumentError, RenderSpec, load_document, validate_document
from .draw import draw_document, drawn_vertices, render

__version__ = "0.1.0"
