"""Language segmentation of multilingual documents."""

__version__ = "0.1.0"
