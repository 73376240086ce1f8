"""Loss and reward curves as standalone SVG files

Copyright 2026 The aqil developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""

from __future__ import absolute_import, print_function

import logging

from .util import running_mean

logger = logging.getLogger(__name__)

AVERAGE_WINDOW = 50

def _pyplot():
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt
    return plt

def write_curves_svg(path, logs, title):
    plt = _pyplot()
    episodes = [log.episode for log in logs]
    losses = [log.mean_loss for log in logs]
    scores = [log.score for log in logs]

    fig, (loss_ax, reward_ax) = plt.subplots(2, 1, figsize=(8, 7), sharex=True)
    loss_ax.plot(episodes, losses, linewidth=0.8, label='Loss')
    loss_ax.plot(episodes, running_mean(losses, AVERAGE_WINDOW), linewidth=1.5, label='Average Loss')
    loss_ax.set_ylabel('loss')
    loss_ax.set_title('Loss and Average Loss')
    loss_ax.legend(loc='upper right')

    reward_ax.plot(episodes, scores, linewidth=0.8, label='Reward')
    reward_ax.plot(episodes, running_mean(scores, AVERAGE_WINDOW), linewidth=1.5, label='Average Reward')
    reward_ax.set_xlabel('episode')
    reward_ax.set_ylabel('score')
    reward_ax.set_title('Reward and Average Reward')
    reward_ax.legend(loc='upper left')

    # phase switches
    for log, previous in zip(logs[1:], logs[:-1]):
        if log.phase != previous.phase:
            for ax in (loss_ax, reward_ax):
                ax.axvline(log.episode - 0.5, color='grey', linestyle='--', linewidth=0.8)

    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    logger.info("Wrote %s", path)
    return path
