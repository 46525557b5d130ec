# Copyright (c) 2026, nearfield-noise contributors
"""Named events with callback lists; sweeps report progress through these."""

import logging
from threading import Lock

logger = logging.getLogger(__name__)


class Subscription():
    def __init__(self, callback, *args):
        self._callback = callback
        self._args: tuple = args


    def call(self, *values):
        self._callback(*values, *self._args)



class SubscriptionList():
    def __init__(self):
        self._subscriptions: list[Subscription] = []
        self._lock = Lock()


    def append(self, callback, *args) -> Subscription | None:
        if not callable(callback):
            return None

        sub = Subscription(callback, *args)
        with self._lock:
            self._subscriptions.append(sub)
        return sub


    def call(self, *values):
        # workers dispatch concurrently; callbacks run outside the lock
        with self._lock:
            subs = list(self._subscriptions)

        for sub in subs:
            sub.call(*values)



class EventDispatcher():
    def __init__(self):
        self.__events: dict[str, SubscriptionList] = {}


    def _register_event(self, event_name: str) -> bool:
        if event_name in self.__events:
            logger.debug(f"[Events] \"{event_name}\" already registered")
            return False

        self.__events[event_name] = SubscriptionList()
        return True


    def _register_events(self, *event_names: str):
        for event in event_names:
            self._register_event(event)


    def _dispatch(self, event_name: str, *values) -> bool:
        if event_name not in self.__events:
            return False

        self.__events[event_name].call(*values)
        return True


    def subscribe(self, event_name: str, callback, *args) -> Subscription | None:
        if event_name not in self.__events:
            return None

        return self.__events[event_name].append(callback, *args)
