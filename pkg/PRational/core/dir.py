import logging
import os
from os import listdir, mkdir

import config


def dirr():
    for folder in (config.OUTPUT_DIR, config.CHECKPOINT_DIR, config.TRANSCRIPT_DIR):
        if os.path.isabs(folder) or os.sep in folder:
            os.makedirs(folder, exist_ok=True)
        elif folder not in listdir():
            mkdir(folder)

    logging.info("Directories Updated.")


if __name__ == "__main__":
    dirr()
