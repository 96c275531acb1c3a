"""
Shared plumbing for the HTTP routers: a thread pool for CPU-bound checks and
the mapping from service errors to HTTP status codes.
"""
import asyncio
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from fastapi import HTTPException

from app.errors import CapExceeded, VerificationError
import logging

logger = logging.getLogger(__name__)

# Thread pool for CPU-intensive evaluations
executor = ThreadPoolExecutor(max_workers=2)


async def run_in_pool(fn: Callable, *args, **kwargs):
    """Run fn in the pool and translate service errors into HTTP errors."""
    loop = asyncio.get_event_loop()
    try:
        return await loop.run_in_executor(executor, lambda: fn(*args, **kwargs))
    except CapExceeded as e:
        raise HTTPException(status_code=413, detail=str(e))
    except (VerificationError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error evaluating {getattr(fn, '__name__', fn)}: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal error while evaluating")
