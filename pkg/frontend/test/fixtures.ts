import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { EvaluateResponse, ScenarioParams } from "../src/types.js";
import { ZODIAC_DEFAULTS } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture(name: string): EvaluateResponse {
  return JSON.parse(readFileSync(join(here, "..", "fixtures", `${name}.json`), "utf-8"));
}

export const zodiacExpExp = loadFixture("zodiac_exp_exp");
export const zodiacExpWeibull2 = loadFixture("zodiac_exp_weibull2");

export const zodiacExpExpParams: ScenarioParams = { ...ZODIAC_DEFAULTS };
export const zodiacExpWeibull2Params: ScenarioParams = { ...ZODIAC_DEFAULTS, shape2: 2.0 };
