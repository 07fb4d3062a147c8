//! Holds the acceptance run under `tests/`; the library is empty.
