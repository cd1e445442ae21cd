"""Template filters for SVG scenes."""

from django import template

register = template.Library()


@register.filter
def svg_points(vertices):
    """
    Format pixel vertices for a polygon's points attribute.

    Usage: <polygon points="{{ shape.vertices|svg_points }}"/>

    Example: [[1.0, 2.5], [3.0, 4.0]] -> "1.00,2.50 3.00,4.00"
    """
    try:
        return " ".join(f"{x:.2f},{y:.2f}" for x, y in vertices)
    except (TypeError, ValueError):
        return ""


@register.filter
def svg_number(value):
    """
    Two-decimal coordinate.

    Usage: {{ point.0|svg_number }}
    """
    try:
        return f"{float(value):.2f}"
    except (TypeError, ValueError):
        return "0.00"
