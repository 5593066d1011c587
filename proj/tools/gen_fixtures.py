#!/usr/bin/env python3
# Copyright 2026 The attrsel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the synthetic source-format fixtures under tests/fixtures.

The files mimic the column layout of the two public fingerprint exports the
bundled mappings target. Values are drawn from skewed pools with a fixed seed,
so reruns are byte-identical.
"""

import argparse
import csv
import datetime
import pathlib
import random

USER_AGENTS = [
    "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 "
    "(KHTML, like Gecko) Chrome/{v}.0 Safari/537.36",
    "Mozilla/5.0 (X11; Linux x86_64; rv:{v}.0) Gecko/20100101 Firefox/{v}.0",
    "Mozilla/5.0 (Macintosh; Intel Mac OS X 10_12) AppleWebKit/603.1 "
    "(KHTML, like Gecko) Version/{v}.0 Safari/603.1",
    "Mozilla/5.0 (Windows NT 6.1; WOW64; Trident/7.0; rv:{v}.0) like Gecko",
]
PLATFORMS = ["Win32", "Linux x86_64", "MacIntel", "Win32"]
LANGUAGES = ["en-US,en;q=0.8", "fr-FR,fr;q=0.8,en;q=0.5", "de-DE,de;q=0.9",
             "es-ES,es;q=0.8", "it-IT,it;q=0.7", "en-GB,en;q=0.9",
             "pt-BR,pt;q=0.8", "ja-JP,ja;q=0.9"]
ACCEPT = ["text/html,application/xhtml+xml,application/xml;q=0.9,*/*;q=0.8",
          "text/html,application/xhtml+xml,*/*"]
ENCODINGS = ["gzip, deflate, br", "gzip, deflate", "gzip, deflate, sdch"]
TIMEZONES = ["-60", "-120", "0", "300", "240", "-540", "180"]
RESOLUTIONS = ["1920x1080x24", "1366x768x24", "1440x900x24", "2560x1440x24",
               "1280x1024x24", "1600x900x24", "3840x2160x30"]
PLUGINS = ["Plugin 0: Chrome PDF Viewer; Plugin 1: Native Client",
           "Plugin 0: Shockwave Flash; Plugin 1: QuickTime",
           "", "Plugin 0: Java Deployment Toolkit"]
FONT_POOL = ["Arial", "Calibri", "Cambria", "DejaVu Sans", "Helvetica",
             "Liberation Mono", "Noto Sans", "Segoe UI", "Tahoma", "Ubuntu",
             "Verdana", "Wingdings"]


# Rendering hashes repeat across browsers that share a GPU and driver stack.
CANVAS = ["%08x" % random.Random(i).getrandbits(32) for i in range(60)]
WEBGL = ["%06x" % random.Random(1000 + i).getrandbits(24) for i in range(20)]


def skewed(rng, pool):
  """Picks from |pool| with weights 1, 1/2, 1/3, ..."""
  weights = [1.0 / (i + 1) for i in range(len(pool))]
  return rng.choices(pool, weights=weights)[0]


def fonts(rng):
  if rng.random() < 0.15:
    return "NULL"
  return ";".join(sorted(rng.sample(FONT_POOL, rng.randint(3, 8))))


def new_browser(rng):
  kind = rng.randrange(len(USER_AGENTS))
  return {
      "kind": kind,
      "version": rng.randint(50, 60),
      "acceptHttp": skewed(rng, ACCEPT),
      "languageHttp": skewed(rng, LANGUAGES),
      "encodingHttp": skewed(rng, ENCODINGS),
      "pluginsJS": skewed(rng, PLUGINS),
      "platformJS": PLATFORMS[kind],
      "cookiesJS": "yes" if rng.random() < 0.97 else "no",
      "dntJS": rng.choice(["NC", "1", "?"]),
      "timezoneJS": skewed(rng, TIMEZONES),
      "resolutionJS": skewed(rng, RESOLUTIONS),
      "localJS": "yes",
      "sessionJS": "yes" if rng.random() < 0.99 else "no",
      "canvasJS": skewed(rng, CANVAS),
      "webGLJs": skewed(rng, WEBGL),
      "fontsFlash": fonts(rng),
      "adBlock": "yes" if rng.random() < 0.3 else "no",
  }


def evolve(rng, browser):
  """Applies the drift seen between two visits of one browser."""
  if rng.random() < 0.25:
    browser["version"] += 1
  if rng.random() < 0.08:
    browser["canvasJS"] = skewed(rng, CANVAS)
  if rng.random() < 0.05:
    browser["resolutionJS"] = skewed(rng, RESOLUTIONS)
  if rng.random() < 0.04:
    browser["timezoneJS"] = skewed(rng, TIMEZONES)
  if rng.random() < 0.03:
    browser["pluginsJS"] = skewed(rng, PLUGINS)
  if rng.random() < 0.02:
    browser["adBlock"] = "no" if browser["adBlock"] == "yes" else "yes"


FPSTALKER_COLUMNS = [
    "counter", "id", "creationDate", "endDate", "addressHttp", "userAgentHttp",
    "acceptHttp", "languageHttp", "encodingHttp", "pluginsJS", "platformJS",
    "cookiesJS", "dntJS", "timezoneJS", "resolutionJS", "localJS",
    "sessionJS", "canvasJS", "webGLJs", "fontsFlash", "adBlock",
]


def write_fpstalker(path, rng, browsers):
  start = datetime.datetime(2016, 7, 1)
  rows = []
  for b in range(browsers):
    browser = new_browser(rng)
    when = start + datetime.timedelta(hours=rng.randint(0, 24 * 60))
    for _ in range(rng.randint(1, 12)):
      row = dict(browser)
      row["userAgentHttp"] = USER_AGENTS[browser["kind"]].format(
          v=browser["version"])
      row["id"] = str(b + 1)
      row["creationDate"] = when.strftime("%Y-%m-%d %H:%M:%S")
      row["endDate"] = (when + datetime.timedelta(minutes=30)).strftime(
          "%Y-%m-%d %H:%M:%S")
      row["addressHttp"] = "10.%d.%d.%d" % (rng.randrange(256),
                                            rng.randrange(256),
                                            rng.randrange(256))
      rows.append(row)
      when += datetime.timedelta(hours=rng.randint(6, 24 * 20))
      evolve(rng, browser)
  rows.sort(key=lambda r: r["creationDate"])
  with open(path, "w", newline="") as out:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FPSTALKER_COLUMNS)
    for counter, row in enumerate(rows, start=1):
      row["counter"] = str(counter)
      writer.writerow(row[c] for c in FPSTALKER_COLUMNS)
  return len(rows)


TILLMANN_COLUMNS = ["uid", "time", "useragent", "plugins", "fonts", "screen",
                    "colordepth", "timezone", "language", "cookies",
                    "platform", "referrer"]


def write_tillmann(path, rng, browsers):
  base = 1_356_998_400  # 2013-01-01T00:00:00Z
  with open(path, "w", newline="") as out:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TILLMANN_COLUMNS)
    for b in range(browsers):
      browser = new_browser(rng)
      resolution = browser["resolutionJS"].rsplit("x", 1)
      writer.writerow([
          "t%05d" % (b + 1),
          str(base + rng.randint(0, 90 * 86400)),
          USER_AGENTS[browser["kind"]].format(v=browser["version"] - 30),
          browser["pluginsJS"] or "-",
          browser["fontsFlash"].replace("NULL", "-"),
          resolution[0],
          resolution[1],
          browser["timezoneJS"],
          browser["languageHttp"].split(",")[0],
          "1" if browser["cookiesJS"] == "yes" else "0",
          browser["platformJS"],
          rng.choice(["-", "search", "direct"]),
      ])
  return browsers


def main():
  parser = argparse.ArgumentParser(description=__doc__)
  parser.add_argument("--out", default=str(
      pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
  parser.add_argument("--seed", type=int, default=20180901)
  args = parser.parse_args()
  out = pathlib.Path(args.out)
  out.mkdir(parents=True, exist_ok=True)
  rng = random.Random(args.seed)
  n = write_fpstalker(out / "fpstalker_sample.csv", rng, 330)
  m = write_tillmann(out / "tillmann_sample.csv", rng, 500)
  (out / "empty.csv").write_text("")
  print("fpstalker_sample.csv: %d records; tillmann_sample.csv: %d records"
        % (n, m))


if __name__ == "__main__":
  main()
