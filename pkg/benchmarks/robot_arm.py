"""Planar three-joint arm reaching for a fixed target.

Controls in [0, 1] map to joint angles ``alpha_max * (2 x - 1)``; the task is
the link length and the joint range.
"""
import numpy as np

from core.space import Box

from .problems import ProblemSpec

JOINTS = 3
TARGET = (0.5, 0.5)


def robot_arm_evaluate(x, theta, target=TARGET):
    link, alpha_max = float(theta[0]), float(theta[1])
    angles = np.cumsum(alpha_max * (2.0 * np.asarray(x, dtype=float) - 1.0))
    tip = link * np.array([np.sum(np.cos(angles)), np.sum(np.sin(angles))])
    return float(np.linalg.norm(tip - np.asarray(target, dtype=float)))


def robot_arm_problem(target_x=TARGET[0], target_y=TARGET[1]):
    target = (float(target_x), float(target_y))
    return ProblemSpec(
        name='robot-arm',
        solution_bounds=Box.unit(JOINTS),
        task_bounds=Box(np.array([0.5 / JOINTS, 0.5 * np.pi / JOINTS]), np.array([1.0 / JOINTS, np.pi / JOINTS])),
        evaluate=lambda x, theta: robot_arm_evaluate(x, theta, target),
        description='planar 3-joint arm; task = (link length, joint range)',
        constants={'target_x': target[0], 'target_y': target[1]},
    )
