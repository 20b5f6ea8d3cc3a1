# Django signals for the experiments app
import logging

from django.dispatch import Signal, receiver

logger = logging.getLogger(__name__)

# sent with: problem, algorithm, trial, seed, evaluations, quantiles
trial_completed = Signal()


@receiver(trial_completed)
def log_trial_summary(sender, problem, algorithm, trial, seed, evaluations, quantiles=None, **kwargs):
    """Log one line per finished trial"""
    if quantiles is None:
        logger.info("%s/%s trial %d (seed %d): %d evaluations", problem, algorithm, trial, seed, evaluations)
    else:
        logger.info("%s/%s trial %d (seed %d): %d evaluations, median online value %.6g",
                    problem, algorithm, trial, seed, evaluations, quantiles[len(quantiles) // 2])
