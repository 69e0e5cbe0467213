"""Term-mouse-fixation analysis.

Detects topical user interest from accumulated mouse-hover dwell over terms
in search sessions: event wire format, session reconstruction, stemmed-term
matching against search terms / titles / keywords, dwell-time statistics,
interest-term extraction, a calibrated corpus simulator, and an ingest
service with per-session reports.
"""

__version__ = "0.1.0"
