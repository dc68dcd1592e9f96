/*
 * Transaction processor functions for DigitalCertificate.
 */
'use strict';

/**
 * createCertificate transaction.
 * @param {org.digitalcertificate.CreateCertificate} tx
 * @transaction
 */
async function createCertificate(tx) {
    // tx.issuer references participant org.digitalcertificate.Issuer
    // tx.certificate references asset org.digitalcertificate.Certificate
}

/**
 * approve transaction.
 * @param {org.digitalcertificate.Approve} tx
 * @transaction
 */
async function approve(tx) {
    // tx.verifier references participant org.digitalcertificate.Verifier
    // tx.certificate references asset org.digitalcertificate.Certificate
}

/**
 * reject transaction.
 * @param {org.digitalcertificate.Reject} tx
 * @transaction
 */
async function reject(tx) {
    // tx.verifier references participant org.digitalcertificate.Verifier
    // tx.certificate references asset org.digitalcertificate.Certificate
}
