/**
 * Snowball stemmer for English (Porter2).
 *
 * Implemented from the published algorithm description; R1/R2 are index
 * positions into the word. Must agree with the server-side analysis
 * stemmer on every fixture entry (the parity tests enforce this).
 */

const VOWELS = "aeiouy"; // marked 'Y' counts as a consonant everywhere
const DOUBLES = ["bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt"];
const LI_ENDING = "cdeghkmnrt";

const EXCEPTION1: Record<string, string> = {
  skis: "ski",
  skies: "sky",
  dying: "die",
  lying: "lie",
  tying: "tie",
  idly: "idl",
  gently: "gentl",
  ugly: "ugli",
  early: "earli",
  only: "onli",
  singly: "singl",
  sky: "sky",
  news: "news",
  howe: "howe",
  atlas: "atlas",
  cosmos: "cosmos",
  bias: "bias",
  andes: "andes",
};

// checked after step 1a, so plural/inflected forms fall through naturally
const EXCEPTION2 = new Set([
  "inning", "outing", "canning", "herring", "earring",
  "proceed", "exceed", "succeed",
]);

// longest-match tables; a longer suffix containing a shorter one comes first
const STEP2: Array<[string, string | null]> = [
  ["ization", "ize"], ["ational", "ate"], ["fulness", "ful"],
  ["ousness", "ous"], ["iveness", "ive"],
  ["tional", "tion"], ["biliti", "ble"], ["lessli", "less"],
  ["entli", "ent"], ["ation", "ate"], ["alism", "al"], ["aliti", "al"],
  ["ousli", "ous"], ["iviti", "ive"], ["fulli", "ful"],
  ["enci", "ence"], ["anci", "ance"], ["abli", "able"], ["izer", "ize"],
  ["ator", "ate"], ["alli", "al"],
  ["bli", "ble"], ["ogi", null], ["li", null],
];

const STEP3: Array<[string, string | null]> = [
  ["ational", "ate"], ["tional", "tion"], ["alize", "al"],
  ["icate", "ic"], ["iciti", "ic"], ["ative", null], ["ical", "ic"],
  ["ness", ""], ["ful", ""],
];

const STEP4 = [
  "ement", "ance", "ence", "able", "ible", "ment",
  "ant", "ent", "ism", "ate", "iti", "ous", "ive", "ize", "ion",
  "al", "er", "ic",
];

function regionAfter(word: string, start: number): number {
  for (let i = start + 1; i < word.length; i++) {
    if (!VOWELS.includes(word[i]!) && VOWELS.includes(word[i - 1]!)) {
      return i + 1;
    }
  }
  return word.length;
}

function markRegions(word: string): [number, number] {
  let p1 = word.length;
  const special = ["gener", "commun", "arsen"].find((p) => word.startsWith(p));
  if (special !== undefined) {
    p1 = special.length;
  } else {
    p1 = regionAfter(word, 0);
  }
  return [p1, regionAfter(word, p1)];
}

function endsShortSyllable(word: string): boolean {
  if (word.length >= 3) {
    const c3 = word[word.length - 3]!;
    const c2 = word[word.length - 2]!;
    const c1 = word[word.length - 1]!;
    if (!VOWELS.includes(c1) && !"wxY".includes(c1) && VOWELS.includes(c2) && !VOWELS.includes(c3)) {
      return true;
    }
  }
  if (word.length === 2 && VOWELS.includes(word[0]!) && !VOWELS.includes(word[1]!)) {
    return true;
  }
  return false;
}

function isShort(word: string, p1: number): boolean {
  return p1 >= word.length && endsShortSyllable(word);
}

function hasVowel(s: string): boolean {
  for (const c of s) {
    if (VOWELS.includes(c)) return true;
  }
  return false;
}

export function stemEnglish(input: string): string {
  let word = input
    .toLowerCase()
    .replaceAll("’", "'")
    .replaceAll("‘", "'")
    .replaceAll("‛", "'");
  const exceptional = EXCEPTION1[word];
  if (exceptional !== undefined) return exceptional;
  if (word.length <= 2) return word;

  // prelude: strip one leading apostrophe, mark consonant y as Y
  if (word.startsWith("'")) word = word.slice(1);
  const chars = word.split("");
  if (chars.length && chars[0] === "y") chars[0] = "Y";
  for (let i = 1; i < chars.length; i++) {
    if (chars[i] === "y" && VOWELS.includes(chars[i - 1]!)) chars[i] = "Y";
  }
  word = chars.join("");

  const [p1, p2] = markRegions(word);

  // step 0
  for (const suffix of ["'s'", "'s", "'"]) {
    if (word.endsWith(suffix)) {
      word = word.slice(0, -suffix.length);
      break;
    }
  }

  // step 1a
  if (word.endsWith("sses")) {
    word = word.slice(0, -2);
  } else if (word.endsWith("ied") || word.endsWith("ies")) {
    word = word.length > 4 ? word.slice(0, -2) : word.slice(0, -1);
  } else if (word.endsWith("us") || word.endsWith("ss")) {
    // keep
  } else if (word.endsWith("s")) {
    if (hasVowel(word.slice(0, -2))) word = word.slice(0, -1);
  }

  if (EXCEPTION2.has(word)) return word;

  // step 1b
  for (const suffix of ["eedly", "ingly", "edly", "eed", "ing", "ed"]) {
    if (word.endsWith(suffix)) {
      if (suffix === "eed" || suffix === "eedly") {
        if (word.length - suffix.length >= p1) {
          word = word.slice(0, -suffix.length) + "ee";
        }
      } else {
        const preceding = word.slice(0, -suffix.length);
        if (hasVowel(preceding)) {
          word = preceding;
          if (word.endsWith("at") || word.endsWith("bl") || word.endsWith("iz")) {
            word += "e";
          } else if (DOUBLES.some((d) => word.endsWith(d))) {
            word = word.slice(0, -1);
          } else if (isShort(word, p1)) {
            word += "e";
          }
        }
      }
      break;
    }
  }

  // step 1c
  if (word.length > 2 && "yY".includes(word[word.length - 1]!) && !VOWELS.includes(word[word.length - 2]!)) {
    word = word.slice(0, -1) + "i";
  }

  // step 2: longest suffix decides the branch; a failed condition ends the step
  for (const [suffix, repl] of STEP2) {
    if (word.endsWith(suffix)) {
      if (word.length - suffix.length >= p1) {
        if (suffix === "ogi") {
          if (word.length >= 4 && word[word.length - 4] === "l") {
            word = word.slice(0, -1);
          }
        } else if (suffix === "li") {
          if (word.length >= 3 && LI_ENDING.includes(word[word.length - 3]!)) {
            word = word.slice(0, -2);
          }
        } else {
          word = word.slice(0, -suffix.length) + repl;
        }
      }
      break;
    }
  }

  // step 3
  for (const [suffix, repl] of STEP3) {
    if (word.endsWith(suffix)) {
      if (word.length - suffix.length >= p1) {
        if (suffix === "ative") {
          if (word.length - 5 >= p2) word = word.slice(0, -5);
        } else {
          word = word.slice(0, -suffix.length) + repl;
        }
      }
      break;
    }
  }

  // step 4
  for (const suffix of STEP4) {
    if (word.endsWith(suffix)) {
      if (word.length - suffix.length >= p2) {
        if (suffix === "ion") {
          if (word.length >= 4 && "st".includes(word[word.length - 4]!)) {
            word = word.slice(0, -3);
          }
        } else {
          word = word.slice(0, -suffix.length);
        }
      }
      break;
    }
  }

  // step 5
  if (word.endsWith("e")) {
    if (word.length - 1 >= p2) {
      word = word.slice(0, -1);
    } else if (word.length - 1 >= p1 && !endsShortSyllable(word.slice(0, -1))) {
      word = word.slice(0, -1);
    }
  } else if (word.endsWith("ll") && word.length - 1 >= p2) {
    word = word.slice(0, -1);
  }

  return word.replaceAll("Y", "y");
}
