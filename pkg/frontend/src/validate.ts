/**
 * Client-side form validation, mirroring the service's parameter ranges so
 * out-of-range values are rejected before any request is sent.
 */

export interface FormParams {
  minSupport: number;
  maxLen: number;
  similarityThreshold: number;
  controlMode: "exact" | "algorithm_faithful";
}

export const DEFAULT_PARAMS: FormParams = {
  minSupport: 0.05,
  maxLen: 5,
  similarityThreshold: 0.9,
  controlMode: "exact",
};

export interface FieldError {
  field: keyof FormParams;
  message: string;
}

export function validateParams(params: FormParams): FieldError[] {
  const errors: FieldError[] = [];
  if (!Number.isFinite(params.minSupport) || params.minSupport <= 0) {
    errors.push({
      field: "minSupport",
      message: "min support must be positive (fraction below 1, count from 1 up)",
    });
  }
  if (!Number.isInteger(params.maxLen) || params.maxLen < 1) {
    errors.push({ field: "maxLen", message: "max pattern length must be an integer >= 1" });
  }
  if (
    !Number.isFinite(params.similarityThreshold) ||
    params.similarityThreshold < 0 ||
    params.similarityThreshold > 1
  ) {
    errors.push({
      field: "similarityThreshold",
      message: "similarity threshold must be between 0 and 1",
    });
  }
  if (params.controlMode !== "exact" && params.controlMode !== "algorithm_faithful") {
    errors.push({ field: "controlMode", message: "unknown control mode" });
  }
  return errors;
}

export function validateSimilarity(value: number): FieldError[] {
  return validateParams({ ...DEFAULT_PARAMS, similarityThreshold: value }).filter(
    (e) => e.field === "similarityThreshold",
  );
}
