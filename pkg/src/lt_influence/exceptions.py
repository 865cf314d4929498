class LTInfluenceError(Exception):
    """
    Base exception for every error raised by the library.

    The CLI maps these (and pydantic validation errors) to exit status 1;
    anything else is treated as an internal error.
    """

    pass
