"""Text-to-visualization coupling for data-rich sports recaps.

The pipeline extracts who/what/when/where story elements from recap
text, binds them to structured game data, and produces a coupled
document that a reading interface can drive in both directions.
"""

__version__ = "0.1.0"
