# Template tags module
"""
Template filters for the grid diagrams.
"""

from django import template

from ..services.render import CELL, DATA, INTERMEDIATE, MARGIN

register = template.Library()

ROLE_FILLS = {
    DATA: "url(#crosshatch)",
    INTERMEDIATE: "url(#downward)",
}


@register.filter(name="px")
def px(value):
    """
    Grid index to pixel offset inside a panel.
    Example: 0 -> 24, 2 -> 80
    """
    return MARGIN + int(value) * CELL


@register.filter(name="role_fill")
def role_fill(value):
    """Fill for a qubit role; unused qubits are plain white."""
    return ROLE_FILLS.get(value, "#ffffff")
