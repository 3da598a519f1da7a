from pydantic import BaseModel, ConfigDict


class MainModel(BaseModel):
    """Immutable base of every domain model.

    Exact rationals are sympy ``QQ`` elements, hence arbitrary types.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)
