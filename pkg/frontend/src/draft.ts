import { TokenPair, VocabEntry } from "./types.js";

/**
 * An ordered, editable list of atomic transformations. Only vocabulary
 * tokens and in-range object ids are accepted; the list can be reordered
 * freely before submission and the submitted order is the displayed order.
 */
export class AnswerDraft {
  private steps: TokenPair[] = [];
  private tokens = new Set<string>();
  private objectCount = 0;

  configure(vocabulary: VocabEntry[], objectCount: number): void {
    this.tokens = new Set(vocabulary.map((v) => v.token));
    this.objectCount = objectCount;
    this.steps = [];
  }

  get items(): readonly TokenPair[] {
    return this.steps;
  }

  get length(): number {
    return this.steps.length;
  }

  validate(obj: number, value: string): string | null {
    if (!Number.isInteger(obj) || obj < 0 || obj >= this.objectCount) {
      return `object id must be in [0, ${this.objectCount})`;
    }
    if (!this.tokens.has(value)) {
      return `unknown value token: ${value}`;
    }
    return null;
  }

  add(obj: number, value: string): void {
    const problem = this.validate(obj, value);
    if (problem !== null) {
      throw new Error(problem);
    }
    this.steps.push({ obj, value });
  }

  remove(index: number): void {
    if (index >= 0 && index < this.steps.length) {
      this.steps.splice(index, 1);
    }
  }

  /** Move the step at `from` so it sits at `to`; used by the drag handles. */
  move(from: number, to: number): void {
    if (from === to) return;
    if (from < 0 || from >= this.steps.length) return;
    const clamped = Math.max(0, Math.min(to, this.steps.length - 1));
    const [step] = this.steps.splice(from, 1);
    this.steps.splice(clamped, 0, step);
  }

  clear(): void {
    this.steps = [];
  }

  toJSON(): TokenPair[] {
    return this.steps.map((s) => ({ ...s }));
  }
}
