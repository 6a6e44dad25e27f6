from git import Repo
from git.exc import GitCommandError, InvalidGitRepositoryError, NoSuchPathError

from ..logging import LOGGER

UNKNOWN_REVISION = "unversioned"


def source_revision() -> str:
    """Short commit hash of the working tree, suffixed with -dirty when modified."""
    try:
        repo = Repo(search_parent_directories=True)
        sha = repo.head.commit.hexsha[:10]
        return f"{sha}-dirty" if repo.is_dirty() else sha
    except (InvalidGitRepositoryError, NoSuchPathError, ValueError):
        return UNKNOWN_REVISION
    except GitCommandError as err:
        LOGGER(__name__).info(f"Invalid Git Command: {err}")
        return UNKNOWN_REVISION


def git() -> str:
    revision = source_revision()
    if revision == UNKNOWN_REVISION:
        LOGGER(__name__).info("No Git Repository Found, reports carry no revision")
    else:
        LOGGER(__name__).info(f"Git Revision Found [{revision}]")
    return revision
