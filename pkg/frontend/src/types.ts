/** Wire types mirroring the eval-service API. */

export interface TokenPair {
  obj: number;
  value: string;
}

export interface ObjectRow {
  id: number;
  size: string;
  color: string;
  shape: string;
  material: string;
  x: number;
  y: number;
}

export interface SamplePayload {
  id: string;
  setting: string;
  view: string;
  objects: ObjectRow[];
  split: string;
}

export interface VocabEntry {
  token: string;
  attribute: string;
}

export interface NextPayload {
  session_id: string;
  index: number;
  total: number;
  sample: SamplePayload;
  initial_svg: string;
  final_svg: string;
  helper_svg: string;
  vocabulary: VocabEntry[];
  solution?: TokenPair[];
}

export interface Score {
  distance: number;
  normalized_distance: number;
  strict_correct: boolean;
  loose_correct: boolean;
  reference_length: number;
}

export interface SubmitResponse {
  score: Score;
  reference: TokenPair[];
  index: number;
  remaining: number;
}

export interface SessionInfo {
  id: string;
  user: string;
  practice: boolean;
  total: number;
}

export interface AnswerRecord {
  sample_id: string;
  transformations: TokenPair[];
  score: Score;
  reference: TokenPair[];
  elapsed_ms: number | null;
}

export interface AggregateReport {
  AD: number;
  AND: number;
  Acc: number;
  LAcc: number;
  EO: number;
  count: number;
  per_length: Record<string, unknown>;
}

export interface SessionReport {
  id: string;
  user: string;
  practice: boolean;
  completed: boolean;
  answers: AnswerRecord[];
  report: AggregateReport | null;
}

export interface ApiError {
  code: string;
  message: string;
}
