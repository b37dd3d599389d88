from .app import create_app
from .jobs import Job, JobQueue
from .store import Store

__all__ = ["create_app", "Job", "JobQueue", "Store"]
