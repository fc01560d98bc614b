"""Published accuracies, transcribed for side-by-side comparison.

These numbers were measured on the original core-geometry stimuli, which
are not redistributable, alongside published human accuracies. They are
comparison constants only; the synthetic stand-in stimuli are not
expected to reproduce them. All values are fractions in [0, 1].
"""

from __future__ import annotations

# Category order used by every table layout.
CATEGORY_ORDER = (
    "Symmetrical figures",
    "Chiral figures",
    "Euclidean geometry",
    "Geometrical figures",
    "Geometrical transformations",
    "Metric properties",
    "Topology",
)

# Model accuracy by category for the three shipped presets.
MODEL_ACCURACY = {
    "cs": {
        "Symmetrical figures": 0.90,
        "Chiral figures": 1.00,
        "Euclidean geometry": 0.88,
        "Geometrical figures": 0.63,
        "Geometrical transformations": 0.73,
        "Metric properties": 0.90,
        "Topology": 0.55,
    },
    "cs+sspread": {
        "Symmetrical figures": 0.85,
        "Chiral figures": 1.00,
        "Euclidean geometry": 0.87,
        "Geometrical figures": 0.83,
        "Geometrical transformations": 0.75,
        "Metric properties": 0.90,
        "Topology": 0.58,
    },
    "four": {
        "Symmetrical figures": 0.87,
        "Chiral figures": 1.00,
        "Euclidean geometry": 0.87,
        "Geometrical figures": 0.86,
        "Geometrical transformations": 0.78,
        "Metric properties": 0.91,
        "Topology": 0.64,
    },
}

MODEL_OVERALL = {"cs": 0.784, "cs+sspread": 0.828, "four": 0.847}

HUMAN_CATEGORY = {
    "Symmetrical figures": 0.820,
    "Chiral figures": 0.962,
    "Euclidean geometry": 0.912,
    "Geometrical figures": 0.714,
    "Geometrical transformations": 0.763,
    "Metric properties": 0.820,
    "Topology": 0.822,
}

# (model - human) difference and STD by category, per preset.
CATEGORY_DELTA = {
    "cs": {
        "Symmetrical figures": (0.080, 0.087),
        "Chiral figures": (0.180, 0.141),
        "Euclidean geometry": (-0.080, 0.129),
        "Geometrical figures": (0.284, 0.272),
        "Geometrical transformations": (0.011, 0.169),
        "Metric properties": (0.137, 0.168),
        "Topology": (0.272, 0.222),
    },
    "cs+sspread": {
        "Symmetrical figures": (0.030, 0.099),
        "Chiral figures": (0.180, 0.141),
        "Euclidean geometry": (-0.093, 0.144),
        "Geometrical figures": (-0.079, 0.175),
        "Geometrical transformations": (0.036, 0.161),
        "Metric properties": (0.137, 0.179),
        "Topology": (0.247, 0.282),
    },
    "four": {
        "Symmetrical figures": (0.047, 0.112),
        "Chiral figures": (0.180, 0.141),
        "Euclidean geometry": (-0.093, 0.148),
        "Geometrical figures": (-0.057, 0.149),
        "Geometrical transformations": (0.068, 0.160),
        "Metric properties": (0.144, 0.167),
        "Topology": (0.185, 0.267),
    },
}

OVERALL_DELTA = {"cs": (-0.053, 0.200), "cs+sspread": (-0.009, 0.184), "four": (0.010, 0.173)}

# concept id -> (category, concept name, human accuracy, four-preset model - human)
# Concept 33's difference is absent from the source table and left as None.
CONCEPTS = {
    28: ("Symmetrical figures", "Vertical axis", 0.858, 0.142),
    30: ("Symmetrical figures", "Oblique axis", 0.875, 0.025),
    29: ("Symmetrical figures", "Horizontal axis", 0.727, -0.027),
    44: ("Chiral figures", "Oblique axis", 0.655, 0.345),
    38: ("Chiral figures", "Oblique axis", 0.716, 0.284),
    42: ("Chiral figures", "Vertical axis", 0.943, 0.057),
    41: ("Chiral figures", "Vertical axis", 0.966, 0.034),
    14: ("Euclidean geometry", "Right angle", 0.943, 0.057),
    11: ("Euclidean geometry", "Alignment of points in lines", 0.949, 0.051),
    10: ("Euclidean geometry", "Straight line", 0.960, 0.040),
    15: ("Euclidean geometry", "Right angle", 0.977, 0.023),
    7: ("Euclidean geometry", "Alignment of points in lines", 0.983, 0.017),
    8: ("Euclidean geometry", "Curve", 0.960, -0.110),
    40: ("Euclidean geometry", "Secant lines", 0.932, -0.382),
    37: ("Euclidean geometry", "Parallel lines", 0.989, -0.439),
    23: ("Geometrical figures", "Square", 0.852, 0.148),
    9: ("Geometrical figures", "Convex shape", 0.938, 0.063),
    26: ("Geometrical figures", "Trapezoid", 0.892, 0.058),
    17: ("Geometrical figures", "Circle", 0.966, 0.034),
    20: ("Geometrical figures", "Equilateral triangle", 0.972, 0.028),
    24: ("Geometrical figures", "Rectangle", 0.943, -0.043),
    25: ("Geometrical figures", "Parallelogram", 0.886, -0.186),
    12: ("Geometrical figures", "Quadrilateral", 0.949, -0.199),
    13: ("Geometrical figures", "Rightangled triangle", 0.813, -0.413),
    33: ("Geometrical transformations", "Horizontal symmetry", 0.625, None),
    34: ("Geometrical transformations", "Rotation", 0.483, 0.367),
    35: ("Geometrical transformations", "Oblique symmetry", 0.767, 0.233),
    36: ("Geometrical transformations", "Homothety (fixed orientation)", 0.744, 0.106),
    39: ("Geometrical transformations", "Homothety (fixed size)", 0.710, 0.090),
    27: ("Geometrical transformations", "Vertical symmetry", 0.731, -0.031),
    31: ("Geometrical transformations", "Translation", 0.813, -0.163),
    32: ("Geometrical transformations", "Point symmetry", 0.835, -0.435),
    22: ("Metric properties", "Center of quadrilateral", 0.477, 0.373),
    19: ("Metric properties", "Middle of segment", 0.682, 0.318),
    45: ("Metric properties", "Increasing distance", 0.744, 0.256),
    21: ("Metric properties", "Fixed proportion", 0.727, 0.173),
    18: ("Metric properties", "Center of circle", 0.903, 0.097),
    16: ("Metric properties", "Distance", 0.966, 0.034),
    43: ("Topology", "Equidistance", 0.841, -0.241),
    6: ("Topology", "Connectedness", 0.813, 0.188),
    5: ("Topology", "Closure", 0.813, 0.038),
    4: ("Topology", "Inside", 0.977, -0.477),
    3: ("Topology", "Holes", 0.688, -0.488),
}


def human_concept(concept_id: int) -> float | None:
    row = CONCEPTS.get(concept_id)
    return row[2] if row else None
