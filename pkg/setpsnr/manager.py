# -*- coding: utf-8 -*-
"""
Job queue and worker pool used to run per-item MSE computations, per-chunk
accumulations and simulation trials in parallel.

Results are always handed back in submission order, so the output of a run does not
depend on the number of workers or on the order in which jobs complete.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import logging
from enum import Enum
from queue import Queue, Empty
from threading import RLock, Event, Thread, current_thread
from typing import Callable, Iterable, List, Optional

from PySignal import ClassSignal

from setpsnr.config import CONF


logger = logging.getLogger(__name__)


# ======================================================================================
# class to wrap queued function calls ('jobs') and provide metadata
# ======================================================================================


class CancelledError(Exception):
    pass


class TimeoutError(Exception):
    pass


class JobStatus(Enum):
    """
    Enumeration to hold job status.
    """

    QUEUED = object()
    RUNNING = object()
    CANCELLED = object()
    FAILED = object()
    FINISHED = object()


class Job:
    """
    Class to hold a scheduled job and keep track of its status and result. It is
    similar in functionality to :class:`concurrent.futures.Future`.

    :param func: Function or method to call when running the job.
    :param args: Arguments for function call.
    :param kwargs: Keyword arguments for function call.
    """

    def __init__(self, func: Callable, args=(), kwargs=None) -> None:

        self.func = func
        self.args = tuple(args)
        self.kwargs = kwargs or {}
        self.index = None

        self._done_event = Event()
        self._status = JobStatus.QUEUED
        self._result = None

    def done(self) -> bool:
        """Returns ``True`` if the job is done, has failed or has been cancelled."""
        return self._status in (
            JobStatus.FINISHED,
            JobStatus.FAILED,
            JobStatus.CANCELLED,
        )

    def _set_result(self, result) -> None:
        self._result = result
        self._done_event.set()

    def result(self, timeout: Optional[float] = None):
        """
        Returns the result of the job. If the job hasn't completed yet, waits up to
        ``timeout`` seconds. If ``timeout`` is ``None``, there is no limit to the wait
        time.

        If the call raised, this method will raise the same exception.

        :param timeout: Time in seconds to wait for a result.
        :raises: :class:`TimeoutError` if no result becomes available within
            ``timeout``, :class:`CancelledError` if the job has been cancelled or the
            exception raised by the job.
        """
        if self._done_event.wait(timeout):
            if self._status == JobStatus.CANCELLED:
                raise CancelledError("Job has been cancelled.")
            if isinstance(self._result, Exception):
                raise self._result
            return self._result
        else:
            raise TimeoutError("No result available yet.")

    @property
    def status(self) -> JobStatus:
        """
        Property that holds the status of the job.
        """
        return self._status

    @status.setter
    def status(self, s: JobStatus) -> None:
        if s not in JobStatus:
            raise ValueError("Argument must be of type %s" % type(JobStatus))
        else:
            self._status = s

    def __repr__(self) -> str:
        info_strings = ["func={}".format(getattr(self.func, "__name__", self.func))]
        if len(self.args) > 0:
            info_strings.append("n_args={}".format(len(self.args)))
        info_strings.append("status={}".format(self.status.name))
        return "<{0}({1})>".format(self.__class__.__name__, ", ".join(info_strings))


# ======================================================================================
# queue for jobs where all history is kept
# ======================================================================================


class JobQueue:
    """
    Queue to hold all jobs: pending, running and already completed. Items in this queue
    should be of type :class:`Job`.

    :cvar added_signal: Emitted with the job index when a new job is added.
    :cvar status_changed_signal: Emitted when a job status changes, e.g., from
        :class:`JobStatus.QUEUED` to :class:`JobStatus.RUNNING`. Carries the job index
        and its new status.
    """

    added_signal = ClassSignal()
    status_changed_signal = ClassSignal()

    def __init__(self) -> None:
        self._lock = RLock()
        self._queued = Queue()
        self._jobs = []

    @property
    def queue(self) -> List[Job]:
        """
        Returns list of all jobs ever put into the queue, in submission order.
        """
        with self._lock:
            return list(self._jobs)

    def put(self, job: Job) -> None:
        """
        Adds ``job`` to the end of the queue. Its status must be
        :class:`JobStatus.QUEUED`. Emits the :attr:`added_signal`.
        """
        if not job.status == JobStatus.QUEUED:
            raise ValueError('Can only append jobs with status "QUEUED".')
        with self._lock:
            job.index = len(self._jobs)
            self._jobs.append(job)
            self._queued.put(job)
        self.added_signal.emit(job.index)

    def get_next_job(self, timeout: Optional[float] = None) -> Job:
        """
        Returns the next queued job and flags it as running. Cancelled jobs are
        skipped. Emits the :attr:`status_changed_signal`.

        :raises: :class:`queue.Empty` if no job becomes available within ``timeout``.
        """
        while True:
            job = self._queued.get(timeout=timeout)
            with self._lock:
                if job.status != JobStatus.QUEUED:
                    continue
                job.status = JobStatus.RUNNING
            self.status_changed_signal.emit(job.index, job.status)
            return job

    def job_done(self, job: Job, exit_status: JobStatus, result=None) -> None:
        """
        Call to inform the queue that a job is completed. Changes the job's status to
        ``exit_status`` and its result to ``result``. Emits the
        :attr:`status_changed_signal`.
        """
        with self._lock:
            job.status = exit_status
            job._set_result(result)
        self.status_changed_signal.emit(job.index, exit_status)

    def cancel(self, jobs: Iterable[Job]) -> int:
        """
        Cancels all jobs in ``jobs`` which have not started yet.

        :returns: Number of cancelled jobs.
        """
        n_cancelled = 0
        with self._lock:
            for job in jobs:
                if job.status == JobStatus.QUEUED:
                    job.status = JobStatus.CANCELLED
                    job._set_result(None)
                    n_cancelled += 1
        return n_cancelled

    def qsize(self, status: Optional[JobStatus] = None) -> int:
        """
        Return the number of jobs with given status.

        :param status: :class:`JobStatus` or ``None`` for all jobs.
        """
        with self._lock:
            if status is None:
                return len(self._jobs)
            return sum(1 for job in self._jobs if job.status == status)

    def __repr__(self) -> str:
        return "<{0}({1} done, {2} running, {3} queued)>".format(
            self.__class__.__name__,
            self.qsize(JobStatus.FINISHED),
            self.qsize(JobStatus.RUNNING),
            self.qsize(JobStatus.QUEUED),
        )


# ======================================================================================
# worker that gets function / method calls from queue and carries them out
# ======================================================================================


class Worker:
    """
    Worker that gets jobs from :attr:`job_q` and executes them until :attr:`stop` is
    set. Exceptions raised by a job are stored as the job's result.

    :param job_q: Queue with jobs to be performed.
    :param stop: Event that ends the worker loop.
    """

    def __init__(self, job_q: JobQueue, stop: Event) -> None:
        self.job_q = job_q
        self.stop = stop

    def process(self) -> None:
        while not self.stop.is_set():
            try:
                job = self.job_q.get_next_job(timeout=0.1)
            except Empty:
                continue

            try:
                result = job.func(*job.args, **job.kwargs)
            except Exception as e:
                logger.debug("Job %s failed: %r", job.index, e)
                self.job_q.job_done(job, JobStatus.FAILED, result=e)
            else:
                self.job_q.job_done(job, JobStatus.FINISHED, result)


# ======================================================================================
# manager to coordinate everything
# ======================================================================================


class Manager:
    """
    :class:`Manager` runs jobs on a pool of background threads. Single jobs are
    submitted with :meth:`submit`:

    >>> from setpsnr.manager import Manager
    >>> manager = Manager(workers=2)
    >>> job = manager.submit(pow, 2, 10)
    >>> job.result()
    1024

    :meth:`map` submits a batch of calls and returns their results in submission order:

    >>> manager.map(pow, [(2, 1), (2, 2), (2, 3)])
    [2, 4, 8]

    Calls made from within a worker thread are executed immediately in that thread, so
    jobs may themselves use the manager without deadlocking the pool.

    :param workers: Number of worker threads. Defaults to the 'workers' option of the
        'Evaluation' config section.
    :ivar job_queue: :class:`JobQueue` holding all queued and finished jobs.
    """

    def __init__(self, workers: Optional[int] = None) -> None:

        if workers is None:
            workers = CONF.get("Evaluation", "workers")
        if workers < 1:
            raise ValueError("Number of workers must be at least 1.")

        self.workers = workers
        self.job_queue = JobQueue()
        self.job_queue.status_changed_signal.connect(self._on_status_changed)

        self._stop = Event()
        self.threads = []

        for i in range(workers):
            worker = Worker(self.job_queue, self._stop)
            thread = Thread(target=worker.process, name="SetPsnrWorker-%s" % i)
            thread.daemon = True
            thread.start()
            self.threads.append(thread)

    # ==================================================================================
    # job execution management
    # ==================================================================================

    def _in_worker(self) -> bool:
        return current_thread() in self.threads

    def submit(self, func: Callable, *args, **kwargs) -> Job:
        """
        Queues a call to ``func`` and returns the :class:`Job`. Calls from a worker
        thread are run immediately and return a finished job.
        """
        job = Job(func, args, kwargs)

        if self._in_worker():
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                job.status = JobStatus.FAILED
                job._set_result(e)
            else:
                job.status = JobStatus.FINISHED
                job._set_result(result)
            return job

        self.job_queue.put(job)
        return job

    def map(self, func: Callable, arg_tuples: Iterable) -> list:
        """
        Calls ``func(*args)`` for every tuple in ``arg_tuples`` on the worker pool.

        :returns: List of results in the order of ``arg_tuples``.
        :raises: The first exception, in submission order, raised by any call. Pending
            calls are cancelled in that case.
        """
        jobs = [self.submit(func, *args) for args in arg_tuples]
        results = []

        for job in jobs:
            try:
                results.append(job.result())
            except Exception:
                n_cancelled = self.job_queue.cancel(jobs)
                if n_cancelled > 0:
                    logger.debug("Cancelled %s pending jobs.", n_cancelled)
                raise

        return results

    def shutdown(self, wait: bool = True) -> None:
        """
        Cancels all pending jobs and stops the worker threads.
        """
        self.job_queue.cancel(self.job_queue.queue)
        self._stop.set()
        if wait:
            for thread in self.threads:
                if thread is not current_thread():
                    thread.join()

    def __enter__(self) -> "Manager":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown()

    @staticmethod
    def _on_status_changed(index: int, status: JobStatus) -> None:
        logger.debug("Job %s: %s", index, status.name)

    def __repr__(self) -> str:
        return "<{0}(workers={1}, {2})>".format(
            self.__class__.__name__, self.workers, self.job_queue
        )
