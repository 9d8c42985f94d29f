import logging
from threading import Lock
from typing import Callable, Dict, List, Optional

logger = logging.getLogger(__name__)

SUITE_STARTED = "suite-started"
SUITE_FINISHED = "suite-finished"
CLAIM_FAILED = "claim-failed"


class Emitter:
    """A small thread-safe event emitter for run progress.

    A callback that raises is logged and skipped; it never aborts a run.

    Args:
        emitterIsEnabled: enable callbacks execution?

    Example usage::
        events = Emitter()
        events.on('suite-started', lambda name: print(name))
        events.emit('suite-started', 'table1')
    """

    def __init__(self, emitterIsEnabled: bool = True):
        self.callbacks: Optional[Dict[str, List[Callable]]] = None
        self.emitterIsEnabled = emitterIsEnabled
        self._lock = Lock()

    def on(self, eventName: str, callback: Callable):
        """Registers a callback for an event name."""
        with self._lock:
            if self.callbacks is None:
                self.callbacks = {}
            self.callbacks.setdefault(eventName, []).append(callback)

    def emit(self, eventName: str, *args, **kwargs):
        """Calls every callback registered for the event."""
        if not self.emitterIsEnabled or not eventName:
            return
        with self._lock:
            callbacks = list((self.callbacks or {}).get(eventName, ()))
        for callback in callbacks:
            try:
                callback(*args, **kwargs)
            except Exception:
                logger.exception("Emitter :: callback for '%s' failed", eventName)

    def clearEvent(self, eventName: str):
        with self._lock:
            if self.callbacks and eventName in self.callbacks:
                del self.callbacks[eventName]

    def clearAllEvents(self):
        with self._lock:
            self.callbacks = None

    def disableEvents(self):
        self.emitterIsEnabled = False

    def enableEvents(self):
        self.emitterIsEnabled = True
