import os
import sys
from typing import List

import yaml

STRINGS_DIR = os.path.dirname(os.path.abspath(__file__))

languages = {}
commands = {}


def get_command(value: str) -> List:
    return commands["command"][value]


def get_string(lang: str = "en"):
    return languages[lang]


for filename in os.listdir(STRINGS_DIR):
    if filename.endswith(".yml"):
        language_name = filename[:-4]
        with open(os.path.join(STRINGS_DIR, filename), encoding="utf8") as f:
            commands[language_name] = yaml.safe_load(f)


for filename in sorted(os.listdir(os.path.join(STRINGS_DIR, "langs"))):
    if not filename.endswith(".yml"):
        continue
    language_name = filename[:-4]
    with open(os.path.join(STRINGS_DIR, "langs", filename), encoding="utf8") as f:
        languages[language_name] = yaml.safe_load(f)
    if language_name != "en" and "en" in languages:
        for item in languages["en"]:
            languages[language_name].setdefault(item, languages["en"][item])

if "en" not in languages:
    print("[ERROR] - strings/langs/en.yml is missing, cannot build the command help")
    sys.exit(2)
